import java.util.*;

public class Solution {
    public static int analyzeValues(int[] nums, int k) {
        // Count how many times the size can be halved
        int remaining = nums.length;
        int steps = 0;
        while (remaining > 0) {
            remaining /= 2;
            steps += 1;
        }

        // Collect doubled values larger than k
        List<Integer> filteredValues = new ArrayList<>();
        for (int idx = 0; idx < nums.length; idx++) {
            if (nums[idx] > k) {
                filteredValues.add(nums[idx] * 2);
            }
        }

        // Flag even-length input
        int parityFlag = nums.length % 2 == 0 ? 1 : 0;

        // Count pairs whose sum is divisible by k
        int pairCount = 0;
        for (int idx = 0; idx < nums.length; idx++) {
            for (int j = idx + 1; j < nums.length; ++j) {
                if ((nums[idx] + nums[j]) % k == 0) {
                    pairCount += 1;
                }
            }
        }

        return steps + filteredValues.size() + parityFlag + pairCount;
    }

    public static void main(String[] args) {
        int[] nums = {3, 6, 9, 12, 15};
        System.out.println(analyzeValues(nums, 3));
    }
}
