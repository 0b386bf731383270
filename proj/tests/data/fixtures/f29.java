import java.util.*;

public class Solution {
    private static boolean isValid(int value, int k) {
        return value % k == 0;
    }

    public static int computeTotal(int[] nums, int k) {
        int pairCount = 0;
        for (int idx = 0; idx < nums.length; idx++) {
            for (int j = idx + 1; j < nums.length; j++) {
                if ((nums[idx] + nums[j]) % k == 0) {
                    pairCount += 1;
                }
            }
        }

        // Flag even-length input
        int isEvenLength = nums.length % 2 == 0 ? 1 : 0;
        int largest = nums[0];
        for (int current : nums) {
            if (current > largest) {
                largest = current;
            }
        }

        // Sum the values divisible by k
        int totalSum = 0;
        for (int currentValue : nums) {
            if (isValid(currentValue, k)) {
                totalSum += currentValue;
            }
        }
        int currentSize = nums.length;
        int halvingCount = 0;
        while (currentSize > 0) {
            currentSize /= 2;
            halvingCount += 1;
        }

        return pairCount + isEvenLength + largest + totalSum + halvingCount;
    }

    public static void main(String[] args) {
        int[] nums = {3, 6, 9, 12, 15};
        System.out.println(computeTotal(nums, 3));
    }
}
