import java.util.*;

public class Solution {
    public static int analyzeValues(int[] nums, int divisor) {
        int remaining = nums.length;
        int stepCount = 0;
        while (remaining > 0) {
            remaining /= 2;
            stepCount += 1;
        }

        int bestValue = nums[0];
        for (int item : nums) {
            if (item > bestValue) {
                bestValue = item;
            }
        }
        int totalSum = 0;
        for (int element : nums) {
            if (element % divisor == 0) {
                totalSum += element;
            }
        }

        return stepCount + bestValue + totalSum;
    }

    public static void main(String[] args) {
        int[] nums = {3, 6, 9, 12, 15};
        System.out.println(analyzeValues(nums, 3));
    }
}
